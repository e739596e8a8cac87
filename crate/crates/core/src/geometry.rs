//! Spherical caps, distances and Haar-random rotations of the unit sphere.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{LinnikError, Result};

const UNIT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const E1: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const E2: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const E3: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(&self, o: &Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(&self) -> Vec3 {
        *self * (1.0 / self.norm())
    }

    pub fn is_unit(&self) -> bool {
        (self.norm() - 1.0).abs() <= UNIT_TOL
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

/// Great-circle distance between two unit vectors, in `[0, π]`.
pub fn spherical_distance(u: &Vec3, v: &Vec3) -> Result<f64> {
    for w in [u, v] {
        if !w.is_unit() {
            return Err(LinnikError::NotUnit(w.norm()));
        }
    }
    Ok(u.dot(v).clamp(-1.0, 1.0).acos())
}

/// `σ(Ω_R) = 2π(1 − cos R)`.
pub fn cap_area(radius: f64) -> Result<f64> {
    if !(radius > 0.0 && radius <= PI) {
        return Err(LinnikError::domain("R", radius, "(0, π]"));
    }
    Ok(cap_area_unchecked(radius))
}

pub(crate) fn cap_area_unchecked(radius: f64) -> f64 {
    // 1 − cos R = 2 sin²(R/2) keeps relative accuracy for small R.
    let s = (0.5 * radius).sin();
    4.0 * PI * s * s
}

/// Inverse of [`cap_area`].
pub fn radius_for_area(area: f64) -> Result<f64> {
    if !(area > 0.0 && area <= 4.0 * PI) {
        return Err(LinnikError::domain("area", area, "(0, 4π]"));
    }
    let s = (area / (4.0 * PI)).sqrt().min(1.0);
    Ok(2.0 * s.asin())
}

/// An open spherical cap `{y : dist(center, y) < radius}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapSpec {
    pub center: Vec3,
    pub radius: f64,
    pub area: f64,
    /// Optional smoothing radius for the convolved kernel.
    pub rho: Option<f64>,
}

impl CapSpec {
    pub fn new(center: Vec3, radius: f64) -> Result<Self> {
        if !center.is_unit() {
            return Err(LinnikError::NotUnit(center.norm()));
        }
        Ok(CapSpec {
            center,
            radius,
            area: cap_area(radius)?,
            rho: None,
        })
    }

    /// Cap at the north pole with the given area.
    pub fn with_area(area: f64) -> Result<Self> {
        CapSpec::new(Vec3::E3, radius_for_area(area)?)
    }

    /// Cap with `σ(Ω_R) = 4π·N^{−δ}`.
    pub fn for_count_exponent(count: usize, delta: f64) -> Result<Self> {
        if count == 0 {
            return Err(LinnikError::Config("cap sized by N = 0".into()));
        }
        CapSpec::with_area(4.0 * PI * (count as f64).powf(-delta))
    }

    pub fn with_smoothing(mut self, rho: f64) -> Result<Self> {
        if !(rho > 0.0 && rho < self.radius) {
            return Err(LinnikError::domain("rho", rho, "(0, R)"));
        }
        self.rho = Some(rho);
        Ok(self)
    }

    /// `σ(Ω_R)/σ(S²)`.
    pub fn area_fraction(&self) -> f64 {
        self.area / (4.0 * PI)
    }

    pub fn is_full_sphere(&self) -> bool {
        self.radius >= PI
    }

    /// Returns the same cap moved to a new center.
    pub fn centered_at(&self, center: Vec3) -> CapSpec {
        CapSpec { center, ..*self }
    }

    pub(crate) fn cos_radius(&self) -> f64 {
        self.radius.cos()
    }
}

/// Number of points strictly inside `cap`.
///
/// `R = π` counts every point: the excluded antipode is a single point and
/// the full-sphere cap is treated as the whole sphere.
pub fn count_in_cap(unit_points: &[Vec3], cap: &CapSpec) -> usize {
    if cap.is_full_sphere() {
        return unit_points.len();
    }
    count_above(unit_points, &cap.center, cap.cos_radius())
}

// dist(c, p) < R  ⇔  ⟨c, p⟩ > cos R, since arccos is strictly decreasing.
#[inline]
pub(crate) fn count_above(unit_points: &[Vec3], center: &Vec3, threshold: f64) -> usize {
    unit_points.iter().filter(|p| p.dot(center) > threshold).count()
}

/// A spherical annulus `{y : inner ≤ dist(center, y) < outer}`, counted as a
/// difference of two caps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnulusSpec {
    pub center: Vec3,
    pub inner: f64,
    pub outer: f64,
}

impl AnnulusSpec {
    pub fn new(center: Vec3, inner: f64, outer: f64) -> Result<Self> {
        if !center.is_unit() {
            return Err(LinnikError::NotUnit(center.norm()));
        }
        if !(inner > 0.0 && inner < outer && outer <= PI) {
            return Err(LinnikError::domain("inner", inner, "0 < inner < outer ≤ π"));
        }
        Ok(AnnulusSpec {
            center,
            inner,
            outer,
        })
    }

    pub fn area(&self) -> f64 {
        cap_area_unchecked(self.outer) - cap_area_unchecked(self.inner)
    }

    pub fn count(&self, unit_points: &[Vec3]) -> usize {
        let outer = CapSpec {
            center: self.center,
            radius: self.outer,
            area: cap_area_unchecked(self.outer),
            rho: None,
        };
        let inner = CapSpec {
            radius: self.inner,
            area: cap_area_unchecked(self.inner),
            ..outer
        };
        count_in_cap(unit_points, &outer) - count_in_cap(unit_points, &inner)
    }
}

/// A proper rotation of `R³`, stored row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rotation(pub [[f64; 3]; 3]);

impl Rotation {
    pub const IDENTITY: Rotation = Rotation([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    /// Rotation matrix of the unit quaternion `(w, x, y, z)`.
    pub fn from_quaternion(w: f64, x: f64, y: f64, z: f64) -> Rotation {
        let n = (w * w + x * x + y * y + z * z).sqrt();
        let (w, x, y, z) = (w / n, x / n, y / n, z / n);
        Rotation([
            [
                1.0 - 2.0 * (y * y + z * z),
                2.0 * (x * y - w * z),
                2.0 * (x * z + w * y),
            ],
            [
                2.0 * (x * y + w * z),
                1.0 - 2.0 * (x * x + z * z),
                2.0 * (y * z - w * x),
            ],
            [
                2.0 * (x * z - w * y),
                2.0 * (y * z + w * x),
                1.0 - 2.0 * (x * x + y * y),
            ],
        ])
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        let m = &self.0;
        Vec3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }

    /// Image of `e₃`, i.e. the third column.
    pub fn pole_image(&self) -> Vec3 {
        Vec3::new(self.0[0][2], self.0[1][2], self.0[2][2])
    }

    pub fn transpose(&self) -> Rotation {
        let m = &self.0;
        let mut t = [[0.0; 3]; 3];
        for (i, row) in t.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = m[j][i];
            }
        }
        Rotation(t)
    }

    pub fn compose(&self, other: &Rotation) -> Rotation {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|k| self.0[i][k] * other.0[k][j]).sum();
            }
        }
        Rotation(out)
    }

    pub fn determinant(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Max entry of `|gᵀg − I|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let p = self.transpose().compose(self);
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((p.0[i][j] - target).abs());
            }
        }
        worst
    }

    pub fn row_major(&self) -> [f64; 9] {
        let m = &self.0;
        [
            m[0][0], m[0][1], m[0][2], m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2],
        ]
    }
}

/// Generator for stream `stream` of the run seeded with `seed`.
///
/// ChaCha is counter based: streams are independent and cheap to derive, so
/// workers never share state.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Haar-uniform rotation from a normalised Gaussian quaternion.
pub fn sample_rotation<R: Rng + ?Sized>(rng: &mut R) -> Rotation {
    loop {
        let q: [f64; 4] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let n2: f64 = q.iter().map(|c| c * c).sum();
        if n2 > 1e-24 {
            return Rotation::from_quaternion(q[0], q[1], q[2], q[3]);
        }
    }
}
