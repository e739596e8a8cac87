//! Integer points on the sphere `x² + y² + z² = n`.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{LinnikError, Result};
use crate::geometry::Vec3;

/// Default upper bound on `n` accepted by [`enumerate_points`].
pub const DEFAULT_CEILING: u64 = 100_000_000;

/// A solution of `x² + y² + z² = n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        LatticePoint { x, y, z }
    }

    pub fn norm(&self) -> u64 {
        (self.x * self.x + self.y * self.y + self.z * self.z) as u64
    }

    pub fn dot(&self, other: &LatticePoint) -> i64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn as_array(&self) -> [i64; 3] {
        [self.x, self.y, self.z]
    }
}

/// Arithmetic classification of `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Admissibility {
    pub squarefree: bool,
    pub mod8: u8,
    /// Squarefree and `n ≢ 7 (mod 8)`.
    pub admissible: bool,
    /// `n mod 8 ∉ {0, 4, 7}`, i.e. a solution with `gcd(x, y, z) = 1` exists.
    pub has_primitive: bool,
}

/// The full solution set for one `n`, sorted lexicographically.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeConfig {
    pub n: u64,
    pub points: Vec<LatticePoint>,
    pub unit_points: Vec<Vec3>,
    pub flags: Admissibility,
}

impl LatticeConfig {
    /// `N_n`, the number of representations.
    pub fn count(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn to_json(&self) -> String {
        let record = PointsRecord {
            n: self.n,
            count: self.count(),
            points: self.points.iter().map(LatticePoint::as_array).collect(),
        };
        serde_json::to_string(&record).expect("points record serialises")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y,z\n");
        for p in &self.points {
            let _ = writeln!(out, "{},{},{}", p.x, p.y, p.z);
        }
        out
    }
}

/// The on-disk JSON shape of an enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointsRecord {
    pub n: u64,
    pub count: usize,
    pub points: Vec<[i64; 3]>,
}

/// Exact `⌊√n⌋`.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    // Float seed, then integer correction in both directions.
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// `Some(r)` when `n = r²`.
pub fn exact_sqrt(n: u64) -> Option<u64> {
    let r = isqrt(n);
    (r * r == n).then_some(r)
}

pub fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return false;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

pub fn admissibility(n: u64) -> Admissibility {
    let squarefree = is_squarefree(n);
    let mod8 = (n % 8) as u8;
    Admissibility {
        squarefree,
        mod8,
        admissible: squarefree && mod8 != 7,
        has_primitive: !matches!(mod8, 0 | 4 | 7),
    }
}

/// Legendre's three-square obstruction `n = 4^a (8b + 7)`.
pub fn is_legendre_excluded(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n;
    while m % 4 == 0 {
        m /= 4;
    }
    m % 8 == 7
}

/// All solutions of `x² + y² + z² = n` with `n ≤ DEFAULT_CEILING`.
pub fn enumerate_points(n: u64) -> Result<LatticeConfig> {
    enumerate_points_with_ceiling(n, DEFAULT_CEILING)
}

pub fn enumerate_points_with_ceiling(n: u64, ceiling: u64) -> Result<LatticeConfig> {
    if n == 0 {
        return Err(LinnikError::ZeroNorm);
    }
    if n > ceiling {
        return Err(LinnikError::CeilingExceeded { n, ceiling });
    }
    let s = isqrt(n) as i64;
    // Each x-slab is independent and already sorted in (y, z), so the
    // concatenation in x order is lexicographic.
    let points: Vec<LatticePoint> = (-s..=s)
        .into_par_iter()
        .map(|x| {
            let mut slab = Vec::new();
            let rest_x = n - (x * x) as u64;
            let sy = isqrt(rest_x) as i64;
            for y in -sy..=sy {
                let rest = rest_x - (y * y) as u64;
                if let Some(z) = exact_sqrt(rest) {
                    let z = z as i64;
                    if z == 0 {
                        slab.push(LatticePoint::new(x, y, 0));
                    } else {
                        slab.push(LatticePoint::new(x, y, -z));
                        slab.push(LatticePoint::new(x, y, z));
                    }
                }
            }
            slab
        })
        .flatten()
        .collect();

    let unit_points = project(n, &points);
    Ok(LatticeConfig {
        n,
        points,
        unit_points,
        flags: admissibility(n),
    })
}

fn project(n: u64, points: &[LatticePoint]) -> Vec<Vec3> {
    let scale = (n as f64).sqrt();
    points
        .iter()
        .map(|p| Vec3::new(p.x as f64 / scale, p.y as f64 / scale, p.z as f64 / scale))
        .collect()
}

/// Points divided by `√n`. An empty configuration is reported as
/// [`LinnikError::NoPoints`].
pub fn unit_projection(config: &LatticeConfig) -> Result<Vec<Vec3>> {
    if config.is_empty() {
        return Err(LinnikError::NoPoints(config.n));
    }
    Ok(project(config.n, &config.points))
}

/// The 48 signed permutations of coordinates (the full octahedral group).
pub fn cube_symmetries() -> Vec<[[i64; 3]; 3]> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::with_capacity(48);
    for perm in PERMS {
        for signs in 0..8u8 {
            let mut m = [[0i64; 3]; 3];
            for (row, &col) in perm.iter().enumerate() {
                m[row][col] = if signs >> row & 1 == 1 { -1 } else { 1 };
            }
            out.push(m);
        }
    }
    out
}

pub fn apply_symmetry(m: &[[i64; 3]; 3], p: &LatticePoint) -> LatticePoint {
    let v = p.as_array();
    let row = |r: usize| m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2];
    LatticePoint::new(row(0), row(1), row(2))
}

/// Smallest admissible `m ≥ n`.
pub fn next_admissible(n: u64) -> u64 {
    let mut m = n.max(1);
    while !admissibility(m).admissible {
        m += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(n: u64) -> Vec<LatticePoint> {
        let s = isqrt(n) as i64 + 1;
        let mut out = Vec::new();
        for x in -s..=s {
            for y in -s..=s {
                for z in -s..=s {
                    if (x * x + y * y + z * z) as u64 == n {
                        out.push(LatticePoint::new(x, y, z));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_points(1).unwrap().count(), 6);
        assert_eq!(enumerate_points(2).unwrap().count(), 12);
        assert_eq!(enumerate_points(7).unwrap().count(), 0);
        for n in 1..200 {
            assert_eq!(enumerate_points(n).unwrap().points, brute_force(n), "n = {n}");
        }
    }

    #[test]
    fn isqrt_boundaries() {
        for r in [0u64, 1, 2, 3, 1000, 65535, 4_294_967_295] {
            let sq = r * r;
            assert_eq!(isqrt(sq), r);
            if sq > 0 {
                assert_eq!(isqrt(sq - 1), r - 1);
            }
            if r > 0 {
                assert_eq!(isqrt(sq + 1), r);
            }
        }
        assert_eq!(isqrt(u64::MAX), 4_294_967_295);
    }

    #[test]
    fn classification() {
        let a = admissibility(101);
        assert!(a.squarefree && a.admissible);
        assert_eq!(a.mod8, 5);
        assert!(!admissibility(7).admissible);
        assert!(!admissibility(12).squarefree);
        assert!(!admissibility(28).has_primitive);
        assert!(!admissibility(4).has_primitive);
        assert!(admissibility(3).has_primitive);
    }

    #[test]
    fn ceiling_and_zero() {
        assert_eq!(enumerate_points(0), Err(LinnikError::ZeroNorm));
        assert!(matches!(
            enumerate_points_with_ceiling(1001, 1000),
            Err(LinnikError::CeilingExceeded { .. })
        ));
    }

    #[test]
    fn projection_examples() {
        let c = enumerate_points(3).unwrap();
        let u = unit_projection(&c).unwrap();
        let i = c.points.iter().position(|p| *p == LatticePoint::new(1, 1, 1)).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert!((u[i].x - s).abs() < 1e-15 && (u[i].y - s).abs() < 1e-15);

        let c = enumerate_points(25).unwrap();
        let u = unit_projection(&c).unwrap();
        let i = c.points.iter().position(|p| *p == LatticePoint::new(3, 4, 0)).unwrap();
        assert!((u[i].x - 0.6).abs() < 1e-15 && (u[i].y - 0.8).abs() < 1e-15);

        let c = enumerate_points(7).unwrap();
        assert_eq!(unit_projection(&c), Err(LinnikError::NoPoints(7)));
    }

    #[test]
    fn outputs() {
        let c = enumerate_points(1).unwrap();
        let rec: PointsRecord = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(rec.count, 6);
        assert_eq!(rec.points[0], [-1, 0, 0]);
        assert!(c.to_csv().starts_with("x,y,z\n-1,0,0\n"));
    }

    #[test]
    fn symmetry_group_has_48_distinct_elements() {
        let mut g = cube_symmetries();
        g.sort();
        g.dedup();
        assert_eq!(g.len(), 48);
    }
}
