use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;

use rayon::prelude::*;

use crate::geometry::Vec3;
use crate::lattice::LatticeConfig;

const ROW_BLOCK: usize = 16;
const VALUE_BLOCK: usize = 64;

/// Weyl-sum powers `S_m = Σ_j |W_{j,m}|² = (2m+1)/(4π) Σ_{i,i'} P_m(⟨x_i, x_i'⟩)`
/// for `m = 0..=m_max`, summed pair by pair.
pub fn weyl_power_addition(unit_points: &[Vec3], m_max: usize) -> Vec<f64> {
    let n = unit_points.len();
    let starts: Vec<usize> = (0..n).step_by(ROW_BLOCK).collect();
    let partials: Vec<Vec<f64>> = starts
        .par_iter()
        .map(|&start| {
            let mut acc = vec![0.0; m_max + 1];
            for i in start..(start + ROW_BLOCK).min(n) {
                for j in (i + 1)..n {
                    let t = unit_points[i].dot(&unit_points[j]).clamp(-1.0, 1.0);
                    accumulate(&mut acc, t, 2.0);
                }
            }
            acc
        })
        .collect();
    let mut total = vec![n as f64; m_max + 1];
    for block in partials {
        for (t, v) in total.iter_mut().zip(block) {
            *t += v;
        }
    }
    finish(total, n)
}

/// Same quantity as [`weyl_power_addition`], grouping pairs of lattice
/// points by their exact integer inner product first. Equal inner products
/// share one Legendre recurrence.
pub fn weyl_power_lattice(config: &LatticeConfig, m_max: usize) -> Vec<f64> {
    let hist = dot_histogram(config);
    let nf = config.n as f64;
    let values: Vec<(i64, u64)> = hist.into_iter().collect();
    let partials: Vec<Vec<f64>> = values
        .par_chunks(VALUE_BLOCK)
        .map(|chunk| {
            let mut acc = vec![0.0; m_max + 1];
            for &(dot, mult) in chunk {
                accumulate(&mut acc, dot as f64 / nf, mult as f64);
            }
            acc
        })
        .collect();
    let mut total = vec![0.0; m_max + 1];
    for block in partials {
        for (t, v) in total.iter_mut().zip(block) {
            *t += v;
        }
    }
    finish(total, config.count())
}

/// Multiplicity of each inner product `⟨p, q⟩` over ordered pairs,
/// diagonal included.
pub(crate) fn dot_histogram(config: &LatticeConfig) -> BTreeMap<i64, u64> {
    let pts = &config.points;
    let starts: Vec<usize> = (0..pts.len()).step_by(ROW_BLOCK).collect();
    let partials: Vec<HashMap<i64, u64>> = starts
        .par_iter()
        .map(|&start| {
            let mut h = HashMap::new();
            for p in &pts[start..(start + ROW_BLOCK).min(pts.len())] {
                for q in pts {
                    *h.entry(p.dot(q)).or_insert(0) += 1;
                }
            }
            h
        })
        .collect();
    let mut out = BTreeMap::new();
    for h in partials {
        for (k, v) in h {
            *out.entry(k).or_insert(0) += v;
        }
    }
    out
}

#[inline]
fn accumulate(acc: &mut [f64], t: f64, weight: f64) {
    let (mut prev, mut cur) = (1.0, t);
    acc[0] += weight;
    if acc.len() > 1 {
        acc[1] += weight * t;
    }
    for m in 1..acc.len() - 1 {
        let mf = m as f64;
        let next = ((2.0 * mf + 1.0) * t * cur - mf * prev) / (mf + 1.0);
        acc[m + 1] += weight * next;
        prev = cur;
        cur = next;
    }
}

fn finish(pair_sums: Vec<f64>, count: usize) -> Vec<f64> {
    let n2 = (count * count) as f64;
    pair_sums
        .into_iter()
        .enumerate()
        .map(|(m, s)| {
            let scale = (2 * m + 1) as f64 / (4.0 * PI);
            let v = scale * s;
            if v < 0.0 && v.abs() <= 1e-9 * scale * n2.max(1.0) {
                0.0
            } else {
                v
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::enumerate_points;

    #[test]
    fn single_point() {
        let s = weyl_power_addition(&[Vec3::E3], 10);
        for (m, v) in s.iter().enumerate() {
            assert!((v - (2 * m + 1) as f64 / (4.0 * PI)).abs() < 1e-15);
        }
    }

    #[test]
    fn antipodal_pair_cancels_odd_degrees() {
        let s = weyl_power_addition(&[Vec3::E3, -Vec3::E3], 5);
        assert!((s[0] - 4.0 / (4.0 * PI)).abs() < 1e-15);
        assert_eq!(s[1], 0.0);
        assert!((s[2] - 5.0 * 4.0 / (4.0 * PI)).abs() < 1e-14);
    }

    #[test]
    fn degree_zero_is_count_squared() {
        let c = enumerate_points(101).unwrap();
        let s = weyl_power_lattice(&c, 3);
        let n2 = (c.count() * c.count()) as f64;
        assert!((s[0] - n2 / (4.0 * PI)).abs() < 1e-9);
    }

    #[test]
    fn grouped_and_pairwise_agree() {
        for n in [3, 14, 101, 389] {
            let c = enumerate_points(n).unwrap();
            let a = weyl_power_addition(&c.unit_points, 300);
            let b = weyl_power_lattice(&c, 300);
            let n2 = (c.count() * c.count()) as f64;
            for m in 0..=300 {
                // Rounding is relative to the trivial bound N²(2m+1)/4π.
                let tol = 1e-13 * n2 * (2 * m + 1) as f64;
                assert!((a[m] - b[m]).abs() <= tol, "n = {n}, m = {m}: {} vs {}", a[m], b[m]);
                assert!(b[m] >= 0.0);
            }
        }
    }
}
